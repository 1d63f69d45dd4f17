"""TV white space quantification.

Thin Python layer over the C++ core: Okumura-Hata propagation, per-tower
exclusion radii under several regulatory viewpoints, zone-masked availability
rasters with area statistics, and minimum-channel reassignment with a
non-adjacency constraint.
"""

from ._tvws import (
    AvailabilityRaster,
    BandPlan,
    ChannelAssignment,
    ExclusionZone,
    GeoPoint,
    InterferenceGraph,
    RasterGrid,
    RegulatoryParams,
    Transmitter,
    ZoneRegion,
    availability_raster,
    build_interference_graph,
    ccdf,
    channel_bounds,
    dbu_to_dbm,
    exclusion_zones,
    fcc_grade_b_radius_km,
    fcc_no_talk_radius_km,
    gen_sample_towers,
    greedy_reassign,
    hata_inverse_distance,
    hata_path_loss,
    haversine_km,
    kw_to_dbm,
    load_zones_geojson,
    make_grid,
    no_talk_radius_km,
    noise_floor_dbm,
    optimal_reassign,
    overall_average,
    parse_tower_csv,
    pollution_radius_km,
    preset,
    preset_names,
    protection_radius_km,
    render_png,
    zone_average,
)

__all__ = [
    "AvailabilityRaster",
    "BandPlan",
    "ChannelAssignment",
    "ExclusionZone",
    "GeoPoint",
    "InterferenceGraph",
    "RasterGrid",
    "RegulatoryParams",
    "Transmitter",
    "ZoneRegion",
    "availability_raster",
    "build_interference_graph",
    "ccdf",
    "channel_bounds",
    "dbu_to_dbm",
    "exclusion_zones",
    "fcc_grade_b_radius_km",
    "fcc_no_talk_radius_km",
    "gen_sample_towers",
    "greedy_reassign",
    "hata_inverse_distance",
    "hata_path_loss",
    "haversine_km",
    "kw_to_dbm",
    "load_zones_geojson",
    "make_grid",
    "no_talk_radius_km",
    "noise_floor_dbm",
    "optimal_reassign",
    "overall_average",
    "parse_tower_csv",
    "pollution_radius_km",
    "preset",
    "preset_names",
    "protection_radius_km",
    "render_png",
    "zone_average",
]

__version__ = "0.1.0"
