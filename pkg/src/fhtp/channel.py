"""Static interference channel: power gains, noise, discrete transmit-power sets.

The model is shared-spectrum with interference treated as noise, so each
receiver sees its own transmitter's signal against the sum of everyone
else's plus thermal noise. Per-slot link capacity is the Shannon rate of
that SINR in bits/s/Hz.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleError

# A transmit-power choice for all pairs in one slot; component n must be a
# member of the corresponding pair's power set.
PowerVector = tuple[float, ...]


def _float_tuple(values) -> tuple[float, ...]:
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class ChannelModel:
    """N transmitter-receiver pairs with fixed power gains over the horizon.

    ``gains[m][n]`` is the power gain from transmitter m to receiver n, so the
    diagonal carries the desired links and off-diagonal entries drive the
    interference terms. Any SNR-gap factor is expected to be divided into the
    diagonal before construction (the model stores post-gap gains only).

    Instances are immutable and safe to share between concurrent solver runs;
    every method here is a pure function of its arguments.
    """

    gains: tuple[tuple[float, ...], ...]
    noise: tuple[float, ...]
    power_sets: tuple[tuple[float, ...], ...]
    slot_duration: float = 1.0

    # cached array views, derived from the tuple fields
    _gain_arr: np.ndarray = field(init=False, repr=False, compare=False)
    _noise_arr: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gains = tuple(_float_tuple(row) for row in self.gains)
        noise = _float_tuple(self.noise)
        # power levels are kept sorted and deduplicated so the maximum is the
        # last entry and enumeration order is reproducible
        power_sets = tuple(tuple(sorted(set(_float_tuple(s)))) for s in self.power_sets)
        object.__setattr__(self, "gains", gains)
        object.__setattr__(self, "noise", noise)
        object.__setattr__(self, "power_sets", power_sets)
        object.__setattr__(self, "slot_duration", float(self.slot_duration))

        n = len(noise)
        if n == 0:
            raise ValueError("channel needs at least one pair")
        if len(gains) != n or any(len(row) != n for row in gains):
            raise ValueError(f"gains must be {n}x{n} to match noise length {n}")
        if len(power_sets) != n:
            raise ValueError(f"expected {n} power sets, got {len(power_sets)}")
        if any(w <= 0 for w in noise):
            raise ValueError("noise powers must be strictly positive")
        if any(g < 0 for row in gains for g in row):
            raise ValueError("gains must be nonnegative")
        if any(gains[i][i] <= 0 for i in range(n)):
            raise ValueError("diagonal (desired-link) gains must be positive")
        for i, s in enumerate(power_sets):
            if 0.0 not in s:
                raise ValueError(f"power set {i} must contain 0 (no-transmission)")
            if any(p < 0 for p in s):
                raise ValueError(f"power set {i} has a negative level")
        if self.slot_duration <= 0:
            raise ValueError("slot duration must be positive")

        object.__setattr__(self, "_gain_arr", np.array(gains, dtype=float))
        object.__setattr__(self, "_noise_arr", np.array(noise, dtype=float))
        self._gain_arr.setflags(write=False)
        self._noise_arr.setflags(write=False)

    @property
    def num_pairs(self) -> int:
        return len(self.noise)

    def max_power(self, n: int) -> float:
        """Largest transmit power available to pair n."""
        return self.power_sets[n][-1]

    def sinr(self, s, n: int) -> float:
        """Signal-to-interference-plus-noise ratio of pair n under power vector s."""
        if not 0 <= n < self.num_pairs:
            raise IndexError(f"pair index {n} out of range for {self.num_pairs} pairs")
        if len(s) != self.num_pairs:
            raise ValueError(f"power vector has {len(s)} entries, expected {self.num_pairs}")
        signal = self.gains[n][n] * s[n]
        interference = 0.0
        for m in range(self.num_pairs):
            if m != n:
                interference += self.gains[m][n] * s[m]
        return signal / (self.noise[n] + interference)

    def capacity_vector(self, s) -> np.ndarray:
        """Per-pair capacity (bits/s/Hz) achieved by power vector s in one slot.

        Component n is log2(1 + SINR_n); transmitting nothing yields rate 0.
        """
        sv = np.asarray(s, dtype=float)
        if sv.shape != (self.num_pairs,):
            raise ValueError(f"power vector has shape {sv.shape}, expected ({self.num_pairs},)")
        received = self._gain_arr * sv[:, None]  # entry (m, n): power of Tx m at Rx n
        desired = np.diagonal(received).copy()
        interference = received.sum(axis=0) - desired
        return np.log2(1.0 + desired / (self._noise_arr + interference))

    def interference_free_rate(self, n: int) -> float:
        """Capacity of pair n transmitting alone at its highest power level.

        This is the hard upper bound on anything pair n can ever get in one
        slot, so it is the natural per-slot optimistic rate.
        """
        if not 0 <= n < self.num_pairs:
            raise IndexError(f"pair index {n} out of range for {self.num_pairs} pairs")
        s_max = self.max_power(n)
        if s_max <= 0.0:
            raise InfeasibleError(f"pair {n} has no positive power level and can never transmit")
        return float(np.log2(1.0 + self.gains[n][n] * s_max / self.noise[n]))
