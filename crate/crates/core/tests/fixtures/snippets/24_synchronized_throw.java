class Snippet {
    void m(boolean x) {
        synchronized (this) {
            if (x)
                throw new IllegalStateException("busy");
        }
    }
}
