"""Backend selection for the hot amplitude-evaluation kernel.

The compiled extension is preferred when it imports cleanly; otherwise the
NumPy reference implementation is used. The environment variable
``BIPHOTON_KERNEL`` overrides the choice:

* ``compiled`` requires the extension and raises if it is missing,
* ``python`` forces the NumPy reference implementation,
* ``auto`` (or unset) picks the extension when available.

Both backends expose ``fill_amplitude_block`` with an identical contract,
and ``BACKEND`` names the one in use.
"""

from __future__ import annotations

import os

from ._ref import GAUSSIAN, SINC

_choice = os.environ.get("BIPHOTON_KERNEL", "auto").lower()

if _choice not in {"auto", "compiled", "python"}:
    raise RuntimeError(
        f"BIPHOTON_KERNEL={_choice!r} not understood; "
        "use 'auto', 'compiled', or 'python'"
    )

if _choice == "python":
    from ._ref import fill_amplitude_block

    BACKEND = "python"
else:
    try:
        from ._fast import fill_amplitude_block

        BACKEND = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise RuntimeError(
                "BIPHOTON_KERNEL=compiled but the extension is not built; "
                "reinstall the package or choose BIPHOTON_KERNEL=python"
            ) from None
        from ._ref import fill_amplitude_block

        BACKEND = "python"

__all__ = ["BACKEND", "GAUSSIAN", "SINC", "fill_amplitude_block"]
