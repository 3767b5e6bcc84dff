"""Build the optional enumeration kernel; fall back to pure Python if it fails."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("geopricer._enumeration", ["src/geopricer/_enumeration.pyx"])],
        language_level="3",
    )
except Exception as exc:  # no Cython / no C compiler: the package still works
    print(f"skipping compiled kernel ({exc}); pure-Python backend will be used")

setup(ext_modules=ext_modules)
