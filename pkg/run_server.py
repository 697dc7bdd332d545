#!/usr/bin/env python3
"""
RTT planner MCP server launcher
"""

import sys
from pathlib import Path

# Project root on the path so the src package resolves
sys.path.insert(0, str(Path(__file__).parent))

from src.server import main

if __name__ == "__main__":
    main()
