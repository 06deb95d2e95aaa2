class Snippet {
    void m() {
        try {
            a();
        } catch (IllegalStateException e) {
            b();
        } catch (RuntimeException e) {
            c();
        }
    }
}
