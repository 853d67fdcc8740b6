from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

CORE_SOURCES = [
    "src/expr.cpp",
    "src/duality.cpp",
    "src/cover.cpp",
    "src/classify.cpp",
    "src/parse.cpp",
    "src/facts.cpp",
    "src/homext.cpp",
    "src/finab.cpp",
    "src/query.cpp",
    "src/selftest.cpp",
]

setup(
    ext_modules=[
        Pybind11Extension(
            "lcacalc._lcacalc",
            ["src/bindings.cpp"] + CORE_SOURCES,
            include_dirs=["include", "vendor"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
