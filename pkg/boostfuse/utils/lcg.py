from typing import List

# 64-bit linear congruential generator, Knuth's MMIX constants:
#   state' = (A * state + C) mod 2**64
A = 6364136223846793005
C = 1442695040888963407
MASK = (1 << 64) - 1


class Lcg64:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK

    def next(self) -> int:
        self.state = (A * self.state + C) & MASK
        return self.state

    def below(self, bound: int) -> int:
        # high 31 bits, the low bits of an LCG have short periods
        return (self.next() >> 33) % bound


def shuffled_indices(n: int, seed: int) -> List[int]:
    """Fisher-Yates shuffle of ``range(n)``: for i = n-1..1 swap i, j."""
    order = list(range(n))
    rng = Lcg64(seed)
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        order[i], order[j] = order[j], order[i]
    return order
