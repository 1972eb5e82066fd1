"""Builds the optional C extension holding the numeric kernels.

The package works without it (fuzznest._kernels is a pure-Python mirror,
chosen at import time), so a failed compile only costs speed. Build with
the pure fallback explicitly via FUZZNEST_SKIP_EXT=1.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FUZZNEST_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("fuzznest._speedups", ["src/fuzznest/_speedups.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
