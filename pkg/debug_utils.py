"""
Debug utilities for the arrangement polynomial engine
Structured diagnostics for theorem checks and cross-method verification
"""
import json
import logging
import os
import traceback
from datetime import datetime
from typing import Any, Dict, Optional

from config import ENGINE_CONFIG

# Configure debug logger
debug_logger = logging.getLogger('tutte_debug')


def _jsonable(value: Any) -> Any:
    """Convert report payloads (tuples as keys, big ints, polynomials) to JSON data."""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, (str, float)):
        return value
    try:
        return int(value)
    except (TypeError, ValueError):
        return str(value)


def save_report(kind: str, payload: Dict[str, Any], force: bool = False) -> Optional[str]:
    """Write a diagnostic report as JSON into the configured debug directory.

    Nothing is written unless TUTTE_SAVE_REPORTS is enabled or force is set.
    Returns the file path, or None.
    """
    if not (force or ENGINE_CONFIG['save_reports']):
        return None

    debug_dir = ENGINE_CONFIG['debug_dir']
    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S_%f')
    report_file = os.path.join(debug_dir, f"{kind}_{timestamp}.json")
    try:
        os.makedirs(debug_dir, exist_ok=True)
        with open(report_file, 'w', encoding='utf-8') as f:
            json.dump({'kind': kind, 'timestamp': str(datetime.now()),
                       'report': _jsonable(payload)}, f, indent=2, sort_keys=True)
        debug_logger.info(f"💾 {kind} report saved to: {report_file}")
        return report_file
    except OSError as e:
        debug_logger.error(f"❌ Failed to save {kind} report: {e}")
        return None


def debug_report(kind: str, payload: Dict[str, Any]) -> None:
    """Log the headline fields of a diagnostic report."""
    debug_logger.warning(f"⚠️ {kind.upper()} REPORT")
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (dict, list, tuple)) and len(value) > 8:
            debug_logger.warning(f"   - {key}: <{len(value)} entries>")
        else:
            debug_logger.warning(f"   - {key}: {value}")
    save_report(kind, payload)


def debug_error(error: Exception, context: str) -> None:
    """Debug error with full context."""
    debug_logger.error(f"❌ ERROR in {context}")
    debug_logger.error(f"🔍 Type: {type(error).__name__}")
    debug_logger.error(f"📝 Message: {str(error)}")
    report = getattr(error, 'report', None)
    if report:
        debug_report(type(error).__name__, report)
    debug_logger.debug("📊 Traceback:")
    debug_logger.debug(traceback.format_exc())
