#!/usr/bin/env python

"""The setup script."""

from setuptools import setup, find_packages

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

requirements = ['sympy>=1.9', 'networkx>=2.6']

setup_requirements = ['pytest-runner', ]

test_requirements = ['pytest>=3', 'pytest-mock', ]

setup(
    author="Marcell Pünkösd",
    author_email='punkosdmarcell@rocketmail.com',
    python_requires='>=3.7',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Environment :: Console',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Software Development :: Libraries :: Python Modules',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11'
    ],
    description="Exact cluster algebra engine for the Sato-Segal-Wilson Grassmannian and its ind-seeds.",
    entry_points={
        'console_scripts': [
            'indcluster=indcluster.cli:main',
        ],
    },
    install_requires=requirements,
    license="MIT license",
    long_description=readme + '\n\n' + history,
    include_package_data=True,
    keywords='indcluster cluster-algebra grassmannian kp-hierarchy',
    name='indcluster',
    packages=find_packages(include=['indcluster', 'indcluster.*']),
    setup_requires=setup_requirements,
    test_suite='tests',
    tests_require=test_requirements,
    url='https://github.com/marcsello/indcluster',
    project_urls={
        "Documentation": "https://indcluster.readthedocs.io/",
        "Code": "https://github.com/marcsello/indcluster",
        "Issue tracker": "https://github.com/marcsello/indcluster/issues",
    },
    version='0.1.0',
    zip_safe=False,
)
