"""Build script: compiles the optional quadrature kernel extension.

The package is fully functional without the extension (a numpy
implementation is selected at import time); building it just speeds up
the inner quadrature loops. Any build failure is therefore non-fatal.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "relpack._kernels",
                ["src/relpack/_kernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
