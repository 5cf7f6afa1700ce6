class Crlf {
    void m() {
        logger.trace("crlf");
        int a = 1;   
    }
}
