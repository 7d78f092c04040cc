import environ

from .redis import REDIS_DATABASES, REDIS_HOST, REDIS_PORT

env = environ.FileAwareEnv()

RQ_QUEUES = {
    "default": {
        "URL": f"{REDIS_HOST}:{REDIS_PORT}",
        "DB": REDIS_DATABASES["QUEUE"],
        # A desk-scale inversion runs for minutes; the batch harness waits.
        "DEFAULT_TIMEOUT": env.int("RQ_DEFAULT_TIMEOUT", default=3600),
    },
}

RQ_MAX_NUMBER_OF_RETRIES = env.int("RQ_MAX_NUMBER_OF_RETRIES", default=0)
