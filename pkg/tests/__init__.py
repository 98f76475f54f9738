"""
Tests for the oddform packages.
"""
