"""Build script for the optional compiled KDE kernel.

The extension is marked optional: if Cython or a C compiler is missing the
package still installs and falls back to the numpy implementation.
"""
import os
import sys

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    cythonize = None

OPENMP = os.environ.get("NETTRUST_NO_OPENMP") is None and sys.platform.startswith("linux")

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "nettrust._kde_ext",
        ["src/nettrust/_kde_ext.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"] + (["-fopenmp"] if OPENMP else []),
        extra_link_args=["-fopenmp"] if OPENMP else [],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        optional=True,
    )
    ext_modules = cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
