"""vergen source tree.

This package contains the vergen library and its command-line front end.
"""
