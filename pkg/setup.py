#!/usr/bin/env python

"""The setup script."""

from setuptools import setup, find_packages

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

requirements = [
    "jstyleson",
    "numpy",
    "sympy>=1.9",
    "mpmath",
]

test_requirements = ['pytest>=3', 'hypothesis', ]

setup(
    author="the wrtkernel developers",
    python_requires='>=3.8',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    description="Exact WRT invariants of 3-manifolds at roots of unity, with machine-checked integrality.",
    entry_points={
        'console_scripts': [
            'wrtkernel=wrtkernel.cli:main',
        ],
    },
    install_requires=requirements,
    extras_require={'test': test_requirements},
    license="MIT license",
    long_description=readme + '\n\n' + history,
    include_package_data=True,
    keywords='wrtkernel',
    name='wrtkernel',
    packages=find_packages(include=['wrtkernel', 'wrtkernel.*']),
    test_suite='tests',
    tests_require=test_requirements,
    version='0.1.0',
    zip_safe=False,
)
