from setuptools import setup, find_namespace_packages

# Read dependencies from requirements.txt
with open("requirements.txt", "r") as f:
    requirements = [
        line.strip() for line in f.read().splitlines()
        if line.strip() and not line.startswith("#")
    ]

setup(
    name="malcev-pi",
    version="0.1.0",
    description="Exact computation in the free algebras of Mal'cev's second- and third-type associative varieties",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    license="MIT",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
    packages=find_namespace_packages(include=["malcev.*"]),
    python_requires=">=3.8",
    install_requires=requirements,
    extras_require={
        "dev": ["pytest", "black", "flake8"],
    },
    include_package_data=True,
    package_data={"malcev.pi.defaults": ["*.yaml"]},
    entry_points={
        "console_scripts": [
            "malcev=malcev.pi.cli.main:main",
        ],
    },
)
