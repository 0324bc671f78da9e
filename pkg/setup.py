"""Build the optional Cython kernels; the package works without them."""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "positroids._ckernels",
                ["src/positroids/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
