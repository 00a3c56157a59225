"""Build script: compiles the optional Cython speedup kernels.

The package works without them (pure-Python kernels are selected at import
time), so a failed extension build degrades gracefully.  Set VALPERM_NO_EXT=1
to skip the extension on purpose.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("VALPERM_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/valperm/_speedups.pyx"],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
