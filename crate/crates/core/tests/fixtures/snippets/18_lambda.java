class Snippet {
    void m(int x) {
        Runnable r = () -> {
            if (x > 0) {
                a();
            }
        };
        r.run();
    }
}
