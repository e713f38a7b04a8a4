"""Smith normal form, polynomial residues, spec parsing, formatting and fixtures."""
