"""Replay of the degree-one search: system, F_2 scan, 2-adic lifting, relations."""
