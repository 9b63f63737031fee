"""Frozen golden tables for the n = 3 full instance, transcribed by hand.

Ten admissible edges are named by letters in canonical (black, white) order;
each table column lists the five maximal trees of one signature class as
seven-letter words.
"""

from __future__ import annotations

EDGE_OF_LETTER = {
    "a": (0, 1),  # alpha
    "b": (0, 2),  # beta
    "g": (0, 3),  # gamma
    "d": (0, 4),  # delta
    "e": (1, 2),  # epsilon
    "h": (1, 3),  # eta
    "k": (1, 4),  # kappa
    "l": (2, 3),  # lambda
    "m": (2, 4),  # mu
    "n": (3, 4),  # nu
}

TREE_TABLE_N3 = {
    "---": ["abgdeln", "abdelmn", "agdehln", "adehkln", "adeklmn"],
    "--+": ["abgdemn", "abgelmn", "agdekmn", "agehkmn", "agehlmn"],
    "-+-": ["abgdhmn", "abghlmn", "abdhkmn", "abehkmn", "abehlmn"],
    "-++": ["abgdkln", "abghkln", "abdklmn", "abehkln", "abeklmn"],
}
TREE_TABLE_N3["+++"] = TREE_TABLE_N3["---"]
TREE_TABLE_N3["++-"] = TREE_TABLE_N3["--+"]
TREE_TABLE_N3["+-+"] = TREE_TABLE_N3["-+-"]
TREE_TABLE_N3["+--"] = TREE_TABLE_N3["-++"]

STAIRCASE_N3 = ["abgdkmn", "abghkmn", "abghlmn", "abehkmn", "abehlmn"]


def decode_tree(word: str) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(EDGE_OF_LETTER[ch] for ch in word))


def decode_column(words) -> set[tuple[tuple[int, int], ...]]:
    return {decode_tree(w) for w in words}
