#!/usr/bin/env python3
"""
Setup script for obsaudit.
"""

from setuptools import setup

if __name__ == "__main__":
    setup()
