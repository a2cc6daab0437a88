"""Build script for the optional compiled enumeration kernel.

The package works without the extension (a numpy fallback is selected at
import time); set BALLAB_SKIP_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("BALLAB_SKIP_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "ballab._kernels",
                sources=["src/ballab/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
