from .io_cli import main

raise SystemExit(main())
