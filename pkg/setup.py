import os

from setuptools import Extension, setup

# The compiled kernels are an optional speedup: the package falls back to the
# pure-Python implementations when the extension is absent.  Set
# TURAN_CYCLES_NO_EXT=1 to skip compilation.
ext_modules = []
if os.environ.get("TURAN_CYCLES_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "turancycles._fastkernels",
                    ["src/turancycles/_fastkernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
