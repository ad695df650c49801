"""Test package for vergen.

This package contains unit tests for the vergen modules and command line.
"""
