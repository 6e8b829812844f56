#!/usr/bin/env python3
'''
Copyright 2025 HardyCheck developers
'''

import sys
import pathlib

# Put this folder on sys.path so `import core` works from any working directory.
sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

from app import main

if __name__ == "__main__":
    sys.exit(main())
