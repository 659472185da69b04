from uncoverings.core import main

main()
