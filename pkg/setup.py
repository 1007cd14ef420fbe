import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "biphoton._kernels._fast",
                ["src/biphoton/_kernels/_fast.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
else:
    # Pure-Python kernels are selected at import time when the compiled
    # extension is unavailable, so the build proceeds without it.
    ext_modules = []

setup(ext_modules=ext_modules)
