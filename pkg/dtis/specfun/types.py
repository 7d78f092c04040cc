from dataclasses import dataclass


@dataclass(frozen=True)
class CylinderFunctionValue:
    """Bessel functions of the first and second kind, orders 0 and 1."""

    j0: float
    j1: float
    y0: float
    y1: float

    @property
    def h1_0(self) -> complex:
        return complex(self.j0, self.y0)

    @property
    def h1_1(self) -> complex:
        return complex(self.j1, self.y1)
