   
	// only a comment, no newline at end