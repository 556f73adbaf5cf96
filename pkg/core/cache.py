# core/cache.py

import logging
from collections import OrderedDict
from typing import Any, Optional, Dict, Hashable, Tuple
from threading import Lock

from core.config import get_config

logger = logging.getLogger(__name__)


def _empty_stats() -> Dict[str, int]:
    return {'hits': 0, 'misses': 0, 'evictions': 0, 'size': 0}


class PorosityCache:
    """
    In-memory LRU cache for porosity results.
    Porosity is a pure function of (graph, shore, engine), so entries never
    expire; the only eviction is by size.
    Thread-safe implementation for concurrent access.
    """

    def __init__(self, max_size: int = 4096):
        """
        Initialize cache.
        Args:
            max_size: Maximum number of entries to store
        """
        self.max_size = max_size
        self._cache: "OrderedDict[Tuple[Hashable, ...], Any]" = OrderedDict()
        self._lock = Lock()
        self._stats = _empty_stats()

    @staticmethod
    def make_key(fingerprint: Hashable, shore_key: Hashable, engine: str) -> Tuple[Hashable, ...]:
        return (fingerprint, shore_key, engine)

    def get(self, key: Tuple[Hashable, ...]) -> Optional[Any]:
        """Return the cached value and refresh its recency, or None."""
        with self._lock:
            if key in self._cache:
                self._cache.move_to_end(key)
                self._stats['hits'] += 1
                return self._cache[key]
            self._stats['misses'] += 1
            return None

    def set(self, key: Tuple[Hashable, ...], data: Any):
        if data is None:
            return
        with self._lock:
            self._cache[key] = data
            self._cache.move_to_end(key)
            while len(self._cache) > self.max_size:
                self._cache.popitem(last=False)
                self._stats['evictions'] += 1
            self._stats['size'] = len(self._cache)

    def get_stats(self) -> Dict[str, Any]:
        """Get cache statistics."""
        with self._lock:
            total_requests = self._stats['hits'] + self._stats['misses']
            hit_rate = (self._stats['hits'] / total_requests * 100) if total_requests > 0 else 0

            return {
                **self._stats,
                'hit_rate_percent': round(hit_rate, 2),
                'total_requests': total_requests,
                'max_size': self.max_size,
            }

    def clear(self):
        """Clear all cache entries."""
        with self._lock:
            cleared_count = len(self._cache)
            self._cache.clear()
            self._stats = _empty_stats()
        logger.info(f"Cleared {cleared_count} porosity cache entries")


# Global cache instance
cache = PorosityCache(max_size=get_config().cache_size)


def get_cache_stats() -> Dict[str, Any]:
    """Get global cache statistics."""
    return cache.get_stats()


def clear_cache():
    """Clear global cache."""
    cache.clear()
