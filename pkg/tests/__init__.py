"""
valconv test package
"""
