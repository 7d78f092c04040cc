from .django import *
from .misc import *
from .project.testing import *
from .third_party.redis import *
from .third_party.rq import *
from .third_party.sentry import *
