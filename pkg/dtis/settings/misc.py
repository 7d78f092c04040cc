from pathlib import Path

import environ

env = environ.FileAwareEnv()

# Where synth/invert/landscape/batch write when --out is not given
DTIS_OUTPUT_DIR = Path(env("DTIS_OUTPUT_DIR", default="runs"))

# Bezier sampling density used when rasterizing spline contours
DTIS_SAMPLES_PER_SEGMENT = env.int("DTIS_SAMPLES_PER_SEGMENT", default=32)

# Enqueue batch seeds on the RQ "default" queue instead of running inline
DTIS_BATCH_USE_QUEUE = env.bool("DTIS_BATCH_USE_QUEUE", default=False)

# Seconds between job status checks while a queued batch runs
DTIS_BATCH_POLL_INTERVAL = env.float("DTIS_BATCH_POLL_INTERVAL", default=2.0)
