#!/usr/bin/env python3
"""
Test runner for the chordspace project
Runs every test script in its own process; exits 1 if any of them fails
"""

import subprocess
import sys
import time

# Ordered bottom-up: geometry first, cli last
TEST_FILES = [
    'test_chord_core.py',
    'test_tube_space.py',
    'test_hmeasure.py',
    'test_probability.py',
    'test_chordspace_cli.py',
]

# Monte Carlo and grid tests at 10^6 samples need more than a minute on slow machines
TIMEOUT_SECONDS = 300


def run_test(test_file) -> bool:
    start_time = time.time()
    try:
        result = subprocess.run([sys.executable, test_file], capture_output=True,
                                text=True, timeout=TIMEOUT_SECONDS)
    except subprocess.TimeoutExpired:
        print(f"✗ {test_file}: timeout after {TIMEOUT_SECONDS}s")
        return False

    elapsed = time.time() - start_time
    if result.returncode == 0:
        print(f"✓ {test_file} ({elapsed:.2f}s)")
        return True
    print(f"✗ {test_file} ({elapsed:.2f}s)")
    print(result.stdout)
    print(result.stderr, file=sys.stderr)
    return False


def main():
    failed = [f for f in TEST_FILES if not run_test(f)]
    print(f"\n{len(TEST_FILES) - len(failed)}/{len(TEST_FILES)} test files passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
