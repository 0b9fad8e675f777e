"""Data tables for the compact two-point homogeneous spaces"""

from __future__ import absolute_import
