"""
Exact algebra module initialization
"""