"""Build script: compiles the optional Cython kernels.

The package works without the extension (a pure-numpy fallback is selected
at import time), so a failed compile only costs speed.
"""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "gngshape._kernels._core",
                sources=["src/gngshape/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": 3, "embedsignature": True},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
