from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the pure-Python
# implementation in ternions/_pycore.py when the extension is unavailable.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("ternions._fastcore", ["src/ternions/_fastcore.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
