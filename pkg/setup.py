import re
from pathlib import Path

import pkg_resources as pkg
from setuptools import find_packages, setup

# Settings
FILE = Path(__file__).resolve()
PARENT = FILE.parent  # root directory
README = (PARENT / "README.md").read_text(encoding="utf-8")
REQUIREMENTS = [
    f"{x.name}{x.specifier}"
    for x in pkg.parse_requirements((PARENT / "requirements.txt").read_text())
]


def get_version():
    file = PARENT / "aggsolve/__init__.py"
    return re.search(
        r'^__version__ = [\'"]([^\'"]*)[\'"]',
        file.read_text(encoding="utf-8"),
        re.M,
    )[1]


setup(
    name="aggsolve",
    version=get_version(),
    python_requires=">=3.9",
    description="Equilibria of aggregative population games and their finite-type approximations",
    long_description=README,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    include_package_data=True,
    package_data={"aggsolve": ["scenario/configs/*.json"]},
    install_requires=REQUIREMENTS,
    extras_require={"dev": ["pytest"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Operating System :: POSIX :: Linux",
    ],
    keywords="game theory, variational inequality, wardrop equilibrium, nash equilibrium, aggregative games",
    entry_points={
        "console_scripts": [
            "aggsolve = aggsolve.cli:main",
        ]
    },
)
