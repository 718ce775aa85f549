import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None and os.path.exists("src/btmimic/similarity/_dp.pyx"):
    ext_modules = cythonize(
        [
            Extension(
                "btmimic.similarity._dp",
                ["src/btmimic/similarity/_dp.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    # Pure-python kernel is selected at import time when the extension
    # is missing; the package still works, just slower.
    ext_modules = []

setup(ext_modules=ext_modules)
