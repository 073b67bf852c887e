def main():
    from cylab.main import main as cylab_main

    raise SystemExit(cylab_main())


if __name__ == "__main__":
    main()
