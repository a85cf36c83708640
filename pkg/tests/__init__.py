"""Test suite for osm_imaging."""
