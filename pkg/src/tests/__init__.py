"""
Tests Package

pytest suite for the cascade simulator, one module per package.
"""
