"""
Invariant forms module initialization
"""