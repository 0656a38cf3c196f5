from setuptools import find_packages, setup


# The README.md will be used as the content for the PyPi package details page on the Python Package Index.
with open("README.md", "r") as readme:
    long_description = readme.read()

setup(name='lauricella-relations',
      version='1.0.0',
      description='Evaluation of Lauricella F_D functions and generation of their linear relations',
      long_description=long_description,
      long_description_content_type="text/markdown",
      author='Lauricella Relations Developers',
      license='MIT',
      include_package_data=True,
      install_requires=[
          'click>=7.0',
          'jsonschema==4.17.3',
          'numpy==1.24.4',
          'python-json-logger==2.0.7',
          'scipy==1.10.1',
      ],
      package_dir={'': 'src'},
      packages=find_packages('src'),
      python_requires='>=3.8,<4',
      test_suite='tests',
      tests_require=[
          'coverage==7.2.7',
          'hypothesis==6.82.0',
          'mpmath==1.3.0',
          'tox==4.6.4',
          'pytest==7.4.0',
          'pytest-cov==4.1.0',
          'pytest-timeout==2.1.0',
      ],
      entry_points={
          'console_scripts': [
              'lauricella=fdtool.__main__:cli',
          ],
      },
      classifiers=[
          "Intended Audience :: Science/Research",
          "License :: OSI Approved :: MIT License",
          "Operating System :: OS Independent",
          "Programming Language :: Python :: 3.8",
          "Programming Language :: Python :: 3.9",
          "Programming Language :: Python :: 3.10",
          "Topic :: Scientific/Engineering :: Mathematics",
      ])
