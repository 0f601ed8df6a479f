import os

from setuptools import setup

# The compiled kernels are an optimization, not a requirement: if Cython is
# missing (or QTURAN_NO_EXT=1), the package installs pure-Python and selects
# the fallback kernels at import time.
ext_modules = []
if os.environ.get("QTURAN_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/qturan/_ckernels.pyx"], language_level=3, annotate=False
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
