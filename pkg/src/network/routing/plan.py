"""
Plan de rutas multicamino en el marco canónico.

En el marco canónico el origen es (0, 0...0) y el destino (l_w, z_w). En el
paso t la ruta está en el nivel t mod m y fija el bit t mod m del lugar; el
valor escrito depende de la etapa:

    1  t < h                  bit t de s
    2  t < λ-h                inverso del bit del origen (1)
    3  t < λ                  patrón de ventana
    7  t >= m+λ-h             bit de z_w
    4  t < m                  bit de z_w
    5  t-m < h                bit de z_w
    6  resto                  bit de z_w

con λ = l_w si l_w >= h, y λ = l_w + m en otro caso. Las condiciones se
evalúan en ese orden. La ventana son los índices (λ-h+j) mod m, j en [0, h).
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from src.network.errors import ContractViolation, ParameterError
from src.network.topology.butterfly import NodeId

logger = logging.getLogger("multipath_routing")

SHORTCUT = "shortcut"
UNIPATH = "unipath"

StageLabel = Union[int, str]


@dataclass(frozen=True)
class PathParam:
    """Índice de ruta s, entero de h bits"""

    s: int
    h: int

    def __post_init__(self):
        if isinstance(self.h, bool) or not isinstance(self.h, int) or self.h < 1:
            raise ParameterError(f"h debe ser un entero >= 1, se recibió {self.h!r}")
        if isinstance(self.s, bool) or not isinstance(self.s, int) or not 0 <= self.s < (1 << self.h):
            raise ParameterError(f"s={self.s!r} fuera de rango para h={self.h}")

    def bit(self, i: int) -> int:
        return (self.s >> i) & 1

    def to_str(self) -> str:
        return f"{self.s:0{self.h}b}"


@dataclass
class Route:
    """Secuencia de nodos con la etiqueta de etapa de cada salto"""

    hops: List[NodeId]
    stages: List[StageLabel] = field(default_factory=list)
    param: Optional[PathParam] = None
    window_pattern: Optional[int] = None

    @property
    def length(self) -> int:
        return len(self.hops) - 1

    @property
    def source(self) -> NodeId:
        return self.hops[0]

    @property
    def destination(self) -> NodeId:
        return self.hops[-1]

    @property
    def is_shortcut(self) -> bool:
        return SHORTCUT in self.stages


@dataclass(frozen=True)
class ClassPredicates:
    """
    Clases de lugares de una ruta s.

    Q: bits [h, λ-h) iguales al origen. R: los h bits bajos iguales a s.
    S: bits de ventana iguales al patrón efectivo de la ruta. El patrón efectivo
    coincide con s_tilde salvo en la ruta que recibe el patrón de una ruta atajada.
    """

    m: int
    h: int
    s: int
    s_tilde: int
    pattern: int
    window_indices: Tuple[int, ...]
    q_range: Tuple[int, int]
    source_place: int = 0

    def in_q(self, place: int) -> bool:
        start, stop = self.q_range
        mask = sum(1 << i for i in range(start, stop))
        return (place & mask) == (self.source_place & mask)

    def in_r(self, place: int) -> bool:
        return (place & ((1 << self.h) - 1)) == self.s

    def in_s(self, place: int) -> bool:
        return window_bits(place, self.window_indices) == self.pattern


def unrolled_level(l_w: int, h: int, m: int) -> int:
    """Nivel de destino desenrollado λ"""
    return l_w if l_w >= h else l_w + m


def window_bits(place: int, indices: Tuple[int, ...]) -> int:
    """Extrae los bits de ventana de un lugar como entero de h bits"""
    return sum(((place >> i) & 1) << j for j, i in enumerate(indices))


def _stage_for_step(t: int, m: int, lam: int, h: int) -> int:
    if t < h:
        return 1
    if t < lam - h:
        return 2
    if t < lam:
        return 3
    if t >= m + lam - h:
        return 7
    if t < m:
        return 4
    if t - m < h:
        return 5
    return 6


def classify_stage(t: int, m: int, l_w: int, h: int) -> int:
    """
    Etapa del paso t para una ruta no atajada

    Args:
        t: Índice de paso
        m: Dimensión de la mariposa
        l_w: Nivel del destino en el marco canónico
        h: Radio de confianza

    Returns:
        Etapa 1..7

    Raises:
        ParameterError: si t está fuera de [0, m + λ)
    """
    if h < 1 or not 0 <= l_w < m:
        raise ParameterError(f"parámetros inválidos: m={m}, l_w={l_w}, h={h}")
    lam = unrolled_level(l_w, h, m)
    if not 0 <= t < m + lam:
        raise ParameterError(f"t={t} fuera de rango [0, {m + lam})")
    return _stage_for_step(t, m, lam, h)


class RoutePlan:
    """
    Las 2^h rutas desde (0, 0...0) hacia un destino canónico.

    Una ruta cuyo nodo de salida de la etapa 2 ya coincide con z_w fuera de la
    ventana toma el atajo: fija la ventana a z_w y termina en λ saltos. Su
    patrón de ventana pasa a la ruta cuyo patrón coincidía con la ventana de
    ese nodo, de modo que las rutas no atajadas siguen con patrones distintos.
    """

    def __init__(self, m: int, h: int, target: NodeId):
        if h < 1 or h > m // 2:
            raise ParameterError(f"h={h} fuera de rango para m={m}")
        self.m = m
        self.h = h
        self.target = target
        self.l_w = target.level
        self.z_w = target.place
        self.lam = unrolled_level(self.l_w, h, m)
        self.length = m + self.lam
        self.window_indices = tuple((self.lam - h + j) % m for j in range(h))
        self.window_mask = sum(1 << i for i in self.window_indices)

        self.tilde: Dict[int, int] = {s: self._tilde(s) for s in range(1 << h)}
        self.patterns: Dict[int, int] = dict(self.tilde)
        self.partners: Dict[int, int] = {}
        self.shortcuts: FrozenSet[int] = frozenset()
        if self.lam >= 2 * h:
            self._plan_shortcuts()

    def _tilde(self, s: int) -> int:
        return sum(((s >> ((j + self.l_w) % self.h)) & 1) << j for j in range(self.h))

    def stage2_exit(self, s: int) -> int:
        """Lugar tras los pasos [0, λ-h); requiere λ >= 2h"""
        ones = ((1 << (self.lam - self.h)) - 1) ^ ((1 << self.h) - 1)
        return s | ones

    def _plan_shortcuts(self) -> None:
        full = (1 << self.m) - 1
        outside = full ^ self.window_mask
        owner = {pattern: s for s, pattern in self.tilde.items()}
        shortcuts = []
        for s in range(1 << self.h):
            exit_place = self.stage2_exit(s)
            if (exit_place ^ self.z_w) & outside:
                continue
            shortcuts.append(s)
            partner = owner[window_bits(exit_place, self.window_indices)]
            self.partners[s] = partner
            if partner != s:
                self.patterns[partner] = self.tilde[s]
            logger.debug(f"Ruta s={s} toma el atajo; patrón cedido a s={partner}")
        self.shortcuts = frozenset(shortcuts)

    def route_length(self, s: int) -> int:
        return self.lam if s in self.shortcuts else self.length

    def stage(self, s: int, t: int) -> StageLabel:
        if not 0 <= t < self.route_length(s):
            raise ContractViolation(f"paso t={t} fuera de la ruta s={s}")
        if s in self.shortcuts and t >= self.lam - self.h:
            return SHORTCUT
        return _stage_for_step(t, self.m, self.lam, self.h)

    def target_bit(self, s: int, t: int) -> int:
        """Valor que el paso t escribe en el bit t mod m"""
        stage = self.stage(s, t)
        if stage == 1:
            return (s >> t) & 1
        if stage == 2:
            return 1
        if stage == 3:
            return (self.patterns[s] >> (t - (self.lam - self.h))) & 1
        return (self.z_w >> (t % self.m)) & 1

    def step(self, s: int, node: NodeId, t: int) -> NodeId:
        i = t % self.m
        place = (node.place & ~(1 << i)) | (self.target_bit(s, t) << i)
        return NodeId((node.level + 1) % self.m, place)

    def node_at(self, s: int, t: int) -> NodeId:
        node = NodeId(0, 0)
        for step in range(t):
            node = self.step(s, node, step)
        return node

    def hops(self, s: int) -> Tuple[List[NodeId], List[StageLabel]]:
        node = NodeId(0, 0)
        hops = [node]
        stages: List[StageLabel] = []
        for t in range(self.route_length(s)):
            stages.append(self.stage(s, t))
            node = self.step(s, node, t)
            hops.append(node)
        return hops, stages

    def predicates(self, s: int) -> ClassPredicates:
        return ClassPredicates(
            m=self.m,
            h=self.h,
            s=s,
            s_tilde=self.tilde[s],
            pattern=self.patterns[s],
            window_indices=self.window_indices,
            q_range=(self.h, max(self.h, self.lam - self.h)),
        )


@lru_cache(maxsize=512)
def route_plan(m: int, h: int, target: NodeId) -> RoutePlan:
    return RoutePlan(m, h, target)
