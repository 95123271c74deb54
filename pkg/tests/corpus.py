"""Formula corpora shared by the tests."""

IEL_MINUS_THEOREMS = [
    "K(p -> q) -> K p -> K q",  # IE1
    "p -> K p",  # IE2
    "(p & q) -> K(p & q)",  # IE2
    "K(p & q) -> K p & K q",
    "K p & K q -> K(p & q)",
    "K(p -> q) -> (K q -> K r) -> K p -> K r",
    "(p -> q) -> K p -> K q",
    "K p -> K K p",
    "K(p | q) -> K(q | p)",
    "~p -> K ~p",
    "K p | K q -> K(p | q)",
    "K p -> K(q -> p)",
]

IEL_THEOREMS = [
    "~K _|_",
    "K p -> ~~p",
    "~p -> ~K p",
    "~~(K p -> p)",
    "~(K p & ~p)",
    "K ~p -> ~p",
]

S4VG_NON_THEOREMS = ["K p -> p", "~~p -> p", "p | ~p"]
S4VMINUS_NON_THEOREMS = ["~K _|_"]
