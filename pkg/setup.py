import os

from setuptools import setup

ext_modules = []
if os.environ.get("SIMPLEX_RAMSEY_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "simplex_ramsey._kernels",
                    ["src/simplex_ramsey/_kernels.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover - build-env dependent
        print("warning: compiled kernels skipped (%s); pure-Python backend will be used" % exc)

setup(ext_modules=ext_modules)
