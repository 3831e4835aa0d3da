import setuptools

# exec rather than import, so setup.py works before the dependencies are installed.
exec(open("reebcomp/_version.py", encoding="utf-8").read())

with open('README.md', 'r', encoding='utf-8') as f:
    long_description = f.read()

tests_require = [
    'pytest',
]

setuptools.setup(
    name='reebcomp',
    version=__version__,
    description='Reeb complements of two scalar fields on triangulated domains',
    long_description=long_description,
    license='MIT',
    keywords='reeb graph topology contour tree scalar field visualization',
    long_description_content_type='text/markdown',
    packages=setuptools.find_packages(exclude=['test']),
    classifiers=([
        'Development Status :: 3 - Alpha',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3 :: Only',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Visualization',
    ]),
    python_requires='>=3.8',
    install_requires=['numpy', 'more-itertools'],
    extras_require={'test': tests_require},
    entry_points={
        'console_scripts': ['reebcomp = reebcomp.cli:main'],
    },
    tests_require=tests_require,
    test_suite='test',
)
