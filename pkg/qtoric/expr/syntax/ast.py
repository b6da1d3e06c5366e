from enum import Enum, auto


class Node(Enum):

    def _generate_next_value_(name, start, count, last_values):
        return name

    # Sums and products
    SUM = auto()
    TERM = auto()
    GROUP = auto()

    # Literals
    SCALAR = auto()
    DIVISOR = auto()
    STRATUM = auto()

    def __str__(self):
        return f'{self._name_}'
