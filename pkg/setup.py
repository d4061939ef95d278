#!/usr/bin/env python

from setuptools import setup, find_packages

requires = [
    'pydantic>=2.0.0',
    'networkx>=2.6.3',
    'numpy>=1.22',
    'graphviz>=0.20',
]

setup(
    name="arcmodel",
    version="0.1.0",
    description="Finite arc and curve models of mapping class groups",
    long_description="arcmodel builds finite balls of metric arc-and-curve models for twist-generated subgroups of mapping class groups of finite-type surfaces, and analyses them with witness subsurfaces, subsurface projections and coarse geometric diagnostics.",
    packages=find_packages(exclude=["tests", "tests.*"]),
    include_package_data=True,
    package_data={
        "arcmodel": ["manifests/*.json"],
    },
    install_requires=requires,
    extras_require={
        'test': ['pytest>=7.0'],
    },
    entry_points={
        'console_scripts': [
            'arcmodel=arcmodel.ui.cli:main',
        ],
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
