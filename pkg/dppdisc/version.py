"""dppdisc version

Past versions
-------------
    0.1.0

"""
__version__ = "0.2.0"
