"""Finite braided groupoids built from exact factorizations of finite groups."""
