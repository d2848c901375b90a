"""Setup script for relcurv package."""
from setuptools import setup, find_packages

setup(
    name="relcurv",
    version="0.1.0",
    license="MIT",
    description="Relative sectional curvature of Riemannian metrics and rotational hypersurfaces",
    keywords=["Riemannian geometry", "curvature", "hypersurfaces of revolution"],
    long_description_content_type="text/markdown",
    long_description=open("README.md").read(),
    zip_safe=False,
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.23",
        "scipy>=1.9",
        "attrs>=21.2.0",
        "tomli>=2.0; python_version<'3.11'",
    ],
    packages=find_packages(exclude=["tests", "tests.*"]),
    entry_points={"console_scripts": ["relcurv=relcurv.cli:main"]},
    test_suite="unittest",
)
