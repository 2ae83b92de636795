from setuptools import setup, find_packages

with open("README.md", "r") as fh:
    long_description = fh.read()

setup(
    author="The dickephase developers",
    description="Mean-field and few-atom simulations of the imbalanced-driving spin-1 Dicke model",
    entry_points={
        "console_scripts": [
            "dickephase = dickephase.cli.dickephase:dickephase_cli",
        ]
    },
    include_package_data=True,
    install_requires=[
        "Click>=8.0",
        "lxml>=4.6.2",
        "packaging>=20.9",
        "xxhash>=2.0.0",
        "python-dateutil>=2.8.2",
        "numpy>=1.22",
        "scipy>=1.9",
        "qutip>=5.0",
    ],
    dependency_links=[],
    long_description=long_description,
    long_description_content_type="text/markdown",
    name="dickephase",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    setup_requires=["pytest-runner"],
    tests_require=["pytest", "pytest_mock", "pyfakefs", "freezegun", "testfixtures"],
    version="1.0.0",
    python_requires=">=3.9",
    classifiers=[
        "Programming Language :: Python :: 3 :: Only",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)
