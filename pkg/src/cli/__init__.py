"""
Command-line module initialization
"""