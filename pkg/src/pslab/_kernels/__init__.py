"""Kernel backend selection.

The compiled extension is preferred; set PSLAB_PURE=1 to force the numpy
fallback (used by the benchmark and the backend-agreement tests).
"""

import os

if os.environ.get("PSLAB_PURE") == "1":
    from pslab._kernels._fallback import (  # noqa: F401
        expsum_int_phase,
        grid_abs_power_sum,
        pair_accumulate,
        sinc_kernel_sum,
    )

    BACKEND = "pure"
else:
    try:
        from pslab._kernels._core import (  # noqa: F401
            expsum_int_phase,
            grid_abs_power_sum,
            pair_accumulate,
            sinc_kernel_sum,
        )

        BACKEND = "compiled"
    except ImportError:
        from pslab._kernels._fallback import (  # noqa: F401
            expsum_int_phase,
            grid_abs_power_sum,
            pair_accumulate,
            sinc_kernel_sum,
        )

        BACKEND = "pure"
