from discrimnet.cli import main

main()
