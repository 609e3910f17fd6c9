namespace hypocone {}
