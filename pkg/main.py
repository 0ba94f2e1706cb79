#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Optimizador de Costos Fog-Cloud - Punto de entrada principal
"""

import sys

from ui.cli import main

if __name__ == "__main__":
    sys.exit(main())
