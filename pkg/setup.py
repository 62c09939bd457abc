import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FDB_NO_EXT") != "1":
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "faadibruno._ckernels",
                ["src/faadibruno/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
