"""Builds the optional compiled kernel extension.

The package works without it (icostego.kernels falls back to the pure-Python
twin); when Cython and a C compiler are available the hot bit-level loops get
a compiled implementation. `icostego.kernels.BACKEND` reports which is active.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("icostego._kernels", ["src/icostego/_kernels.pyx"], optional=True)],
        language_level="3",
    )

setup(ext_modules=ext_modules)
