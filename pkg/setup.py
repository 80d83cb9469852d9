from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:  # build the pure-Python package only
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "akb._ckernels",
                ["src/akb/_ckernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
