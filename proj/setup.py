import subprocess

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def build_id():
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True,
            text=True,
            check=True,
        )
        return out.stdout.strip() or "unknown"
    except Exception:
        return "unknown"


ext = Pybind11Extension(
    "pandora_stopping._core",
    sources=[
        "python/bindings.cpp",
        "src/distribution.cpp",
        "src/model.cpp",
        "src/policies.cpp",
        "src/oracles.cpp",
        "src/engine.cpp",
        "src/instance_io.cpp",
        "src/registry.cpp",
        "src/render.cpp",
    ],
    include_dirs=["include", "vendor"],
    define_macros=[("PANDORA_VERSION", f'"{build_id()}"')],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
