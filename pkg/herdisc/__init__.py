"""
herdisc: Discrepancy Minimization with Hereditary Guarantees
Version: 0.1.0
"""

__version__ = '0.1.0'
__author__ = 'Jakob Wimmer'
