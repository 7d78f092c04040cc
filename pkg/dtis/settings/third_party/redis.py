import environ

env = environ.FileAwareEnv()

REDIS_HOST = env("REDIS_HOST", default="redis://dtis-redis")
REDIS_PORT = env.int("REDIS_PORT", default=6379)

REDIS_DATABASES = {
    "QUEUE": 0,
}
