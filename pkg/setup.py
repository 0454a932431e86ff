from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("replica._kernels", ["src/replica/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except Exception as exc:  # no Cython or no compiler: ship the pure-Python kernels
    print(f"building without compiled kernels: {exc}")

setup(ext_modules=ext_modules)
