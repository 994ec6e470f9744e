class FunctionKey:
    CONSTANT = "constant"
    LINEAR_UP = "linear_up"
    LINEAR_DOWN = "linear_down"
    TENT = "tent"
    STEP_WITH_JUMPS = "step_with_jumps"
    DIRICHLET = "dirichlet"
    THOMAE = "thomae"


class FunctionName:
    CONSTANT = "Constant"
    LINEAR_UP = "Linear up"
    LINEAR_DOWN = "Linear down"
    TENT = "Tent"
    STEP_WITH_JUMPS = "Step with jumps"
    DIRICHLET = "Dirichlet"
    THOMAE = "Thomae"


DEFAULT_ORDER = [
    FunctionKey.CONSTANT,
    FunctionKey.LINEAR_UP,
    FunctionKey.LINEAR_DOWN,
    FunctionKey.TENT,
    FunctionKey.STEP_WITH_JUMPS,
    FunctionKey.DIRICHLET,
    FunctionKey.THOMAE,
]
