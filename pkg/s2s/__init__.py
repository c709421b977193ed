"""s2s: 문자열 정렬/거리/유사도/검색 툴킷"""

__version__ = "0.1.0"
