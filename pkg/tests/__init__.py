"""
Test suite for the ncideals package.
"""
