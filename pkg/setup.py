"""Build shim: compiles the Cython kernel twin when Cython is available.

The package is fully functional without the extension -- ``planeinv.linalg``
falls back to the pure-Python kernels at import time -- so a missing or
failing Cython toolchain must never break installation.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("planeinv._kernels_cy", ["src/planeinv/_kernels_cy.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
