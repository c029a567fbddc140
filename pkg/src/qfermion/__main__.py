from qfermion.cli import main

main()
