"""Build script for the optional compiled kernel extension.

The package works without the extension (a pure-Python twin is selected at
import time); building it just makes the disk-mode determinant scans fast.
"""

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    HAVE_CYTHON = True
except ImportError:
    HAVE_CYTHON = False

extensions = []
if HAVE_CYTHON:
    extensions = cythonize(
        [
            Extension(
                "elastica.specfun._kernels",
                ["src/elastica/specfun/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)
