#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Entry point for python -m resopy.

Copyright 2024 The resopy developers
Released under the MIT licence, see LICENSE for details.
"""
from .cli import main
import sys

if __name__ == "__main__":
    sys.exit(main())
