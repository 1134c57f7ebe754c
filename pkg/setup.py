from setuptools import setup, find_packages

setup(
    name='evidence',
    version='0.3',
    install_requires=['blessings', 'pystache', 'numpy', 'scipy'],
    extras_require={
        'test': ['pytest', 'pytest-datadir', 'hypothesis', 'jsonschema'],
    },
    packages=find_packages(exclude=['test', 'test.*']),
    package_data={'evidence': ['schemas/*.json']},
    entry_points={
        'console_scripts': [
            'evidence = evidence:main',
        ]
    }
)
