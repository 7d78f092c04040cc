import sys

TESTING = "test" in sys.argv
