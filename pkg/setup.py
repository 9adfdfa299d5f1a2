"""Build script for the optional compiled propagation kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), but the compiled kernel makes the fixed-step master-equation
integration roughly two orders of magnitude faster.
"""

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "sqzmet._rk4",
                ["src/sqzmet/_rk4.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    extensions = []

setup(ext_modules=extensions)
