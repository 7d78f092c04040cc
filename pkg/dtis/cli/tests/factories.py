import factory

from dtis.cli.config import RunConfig


class RunConfigFactory(factory.Factory):
    """
    Desk-sized tc1 run: coarse grids, few views and a tiny swarm.

    Traits:
      - bare: every particle is evaluated at every iteration.
        Ex: `RunConfigFactory(bare=True)`
    """

    class Meta:
        model = RunConfig

    class Params:
        bare = factory.Trait(mode="go")

    scenario = "tc1"
    mode = "sbd"
    n_side = 8
    n_side_fw = 12
    views = 4
    probes = 8
    particles = 3
    iterations = 2
    go_iterations = 2
    initial_samples = 9
    seed = 7
    seeds = (11, 12, 13)
