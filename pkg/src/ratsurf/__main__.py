from ratsurf.cli import main

main()
