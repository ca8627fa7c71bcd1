"""Free (L,b)-colorings of cycles and trees of cycles."""
