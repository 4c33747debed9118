"""
Valuations module initialization
"""