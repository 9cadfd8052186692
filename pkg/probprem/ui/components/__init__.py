from .message_panel import MessagePanel
from .tables import show_checks

__all__ = [
    "MessagePanel",
    "show_checks",
]
