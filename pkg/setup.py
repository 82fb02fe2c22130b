from setuptools import setup, find_packages


setup(
    name='pylandauer',
    version='0.1.0',
    packages=find_packages(include=['pylandauer', 'pylandauer.*']),
    package_data={'pylandauer.nmrsim': ['molecules/*.yaml']},
    python_requires='>=3.10',
    install_requires=[
        'numpy',
        'scipy',
        'pandas',
        'pyyaml',
        'rich',
    ],
    extras_require={
        'dev': ['pytest'],
    },
    entry_points={
        'console_scripts': [
            'pylandauer=pylandauer.expharness.cli:main',
        ],
    },
)
