from brace_solutions.cli import main

raise SystemExit(main())
