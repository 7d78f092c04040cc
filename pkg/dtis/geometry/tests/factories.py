import factory
import numpy as np

from dtis.geometry.services import default_bounds
from dtis.geometry.types import DofVector, Layout


def _uniform_in_bounds(obj) -> np.ndarray:
    rng = np.random.default_rng(obj.rng_seed)
    values = rng.uniform(obj.lower, obj.upper)
    if obj.layout == Layout.DOUBLY_CONNECTED:
        values[-1] = min(max(values[-1], 0.1), 0.9)
    return values


class DofVectorFactory(factory.Factory):
    """
    DofVector drawn uniformly inside the default bounds.

    Traits:
      - doubly_connected: hollow scatterer layout.
        Ex: `DofVectorFactory(doubly_connected=True)`
      - multi_object: two disjoint scatterers layout.
    """

    class Meta:
        model = DofVector

    class Params:
        side = 2.0
        tau_max = 6.0
        rng_seed = 7
        doubly_connected = factory.Trait(layout=Layout.DOUBLY_CONNECTED)
        multi_object = factory.Trait(layout=Layout.MULTI_OBJECT)

    layout = Layout.SINGLE
    q = 4
    lower = factory.LazyAttribute(
        lambda o: default_bounds(o.layout, o.q, o.side, o.tau_max)[0]
    )
    upper = factory.LazyAttribute(
        lambda o: default_bounds(o.layout, o.q, o.side, o.tau_max)[1]
    )
    values = factory.LazyAttribute(_uniform_in_bounds)
