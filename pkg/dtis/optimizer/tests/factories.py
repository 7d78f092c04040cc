import factory

from dtis.geometry.services import default_bounds
from dtis.geometry.types import Layout
from dtis.optimizer.types import InversionConfig, Mode


class InversionConfigFactory(factory.Factory):
    """
    Small swarm over the default bounds of a four-radius contour.

    Traits:
      - bare: every particle is evaluated at every iteration.
        Ex: `InversionConfigFactory(bare=True)`
    """

    class Meta:
        model = InversionConfig

    class Params:
        side = 2.0
        bare = factory.Trait(mode=Mode.GO)

    layout = Layout.SINGLE
    q = 4
    lower = factory.LazyAttribute(
        lambda o: default_bounds(o.layout, o.q, o.side)[0]
    )
    upper = factory.LazyAttribute(
        lambda o: default_bounds(o.layout, o.q, o.side)[1]
    )
    mode = Mode.SBD
    particles = 5
    iterations = 10
    initial_samples = 10
    seed = 7
